package io.sample;

import java.io.FileNotFoundException;
import java.io.FileReader;
import java.io.IOException;

public class Example {

    public void methodOne() throws FileNotFoundException {
        String status = "start";
        try {
            FileReader fr = new FileReader("data.txt");
            status = methodTwo(fr);
            fr.close();
        } catch (FileNotFoundException fnfe) {
            status = "missing";
        throw fnfe; }
        System.out.println(status);
    }

    public String methodTwo(FileReader fr) throws IOException {
        if (fr == null) {
            throw new IllegalArgumentException("no reader");
        }
        if (!fr.ready()) {
            throw new IOException("not ready");
        }
        return "ok";
    }
}
